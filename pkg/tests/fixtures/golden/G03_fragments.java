class G03 {
    public static void main(String[] args) {
        int a = 1, b = 2;
        int c = a + b;
        System.out.println(c);
    }
}
