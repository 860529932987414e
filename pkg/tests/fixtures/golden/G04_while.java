class G04 {
    public static void main(String[] args) {
        int n = 32;
        while (n > 1) {
            n = n / 2;
        }
        System.out.println(n);
    }
}
