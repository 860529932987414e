class G10 {
    public static void main(String[] args) {
        int code = args.length;
        String name;
        switch (code) {
            case 0:
                name = "zero";
                break;
            case 1:
                name = "one";
                break;
            default:
                name = "many";
                break;
        }
        System.out.println(name);
    }
}
